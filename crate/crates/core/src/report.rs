//! Rendering of a [`KernelReport`] as plain text, LaTeX or JSON.
//!
//! Text and LaTeX follow the narrative of the construction: fan, relations,
//! quotient, Kähler cone, kernel and the representation theorem. The JSON
//! form keeps every number exact (rationals as `"p/q"` strings) and reads
//! back with [`parse_structured`].

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::PrimitiveCollections;
use crate::error::{Error, Result};
use crate::fan::{Fan, FanFile};
use crate::kernel::{
    DomainInequality, ExceptionalSet, GDenominator, GTerm, GroupAction, HForm, HTerm, KernelReport, LinearFormRho,
    NuMode, WForm,
};
use crate::linalg::RelationBasis;
use crate::{Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Structured,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" | "structured" => Ok(Format::Structured),
            other => Err(Error::Argument(format!("unknown format {other:?}, expected text|latex|json"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: Format,
    pub include_theorem: bool,
    pub z: String,
    pub rho: String,
    pub lambda: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: Format::Text,
            include_theorem: true,
            z: "z".into(),
            rho: "rho".into(),
            lambda: "lambda".into(),
        }
    }
}

impl RenderOptions {
    pub fn with_format(format: Format) -> Self {
        RenderOptions {
            format,
            ..Default::default()
        }
    }
}

pub fn render(report: &KernelReport, opts: &RenderOptions) -> String {
    match opts.format {
        Format::Text => Narrative { report, sym: &Text(opts) }.render(opts.include_theorem),
        Format::Latex => Narrative { report, sym: &Latex(opts) }.render(opts.include_theorem),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&to_document(report)).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

/// Symbols of one output language. Indices passed in are 0-based.
trait Symbols {
    fn z(&self, i: usize) -> String;
    fn rho(&self, m: usize) -> String;
    fn lambda(&self, k: usize) -> String;
    fn number(&self, q: &Rational) -> String;
    fn power(&self, base: &str, e: &Rational) -> String;
    fn abs_pow(&self, i: usize, e: &Rational) -> String;
    fn dz(&self, i: usize) -> String;
    fn wedge(&self) -> &'static str;
    fn times(&self) -> &'static str;
    /// Separator between a monomial and its differential.
    fn before_form(&self) -> &'static str;
    fn line(&self, out: &mut String, s: &str);
    fn heading(&self, out: &mut String, s: &str);
    fn prose(&self, out: &mut String, s: &str);
    fn less(&self) -> &'static str;
    fn greater(&self) -> &'static str;
    fn complex_space(&self, d: usize) -> String;
    fn setminus(&self) -> &'static str;
    fn union(&self) -> &'static str;
    fn sigma(&self) -> &'static str;
    fn gamma(&self) -> String;
    fn omega_def(&self) -> String;
    fn representation(&self) -> String;
    fn constant(&self) -> String;
    fn vector(&self, v: &[i64]) -> String;
    fn generator(&self, i: usize) -> String;
    fn set(&self, body: &str) -> String;
    /// Math embedded in a prose line.
    fn inline(&self, m: &str) -> String;
}

struct Text<'a>(&'a RenderOptions);
struct Latex<'a>(&'a RenderOptions);

fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Symbols for Text<'_> {
    fn z(&self, i: usize) -> String {
        format!("{}{}", self.0.z, i + 1)
    }
    fn rho(&self, m: usize) -> String {
        format!("{}[{}]", self.0.rho, m + 1)
    }
    fn lambda(&self, k: usize) -> String {
        format!("{}[{}]", self.0.lambda, k + 1)
    }
    fn number(&self, q: &Rational) -> String {
        rational_text(q)
    }
    fn power(&self, base: &str, e: &Rational) -> String {
        if e.is_one() {
            base.to_string()
        } else if e.is_integer() && !e.is_negative() {
            format!("{base}^{}", e.to_integer())
        } else {
            format!("{base}^({})", rational_text(e))
        }
    }
    fn abs_pow(&self, i: usize, e: &Rational) -> String {
        let base = format!("|{}|", self.z(i));
        if e.is_integer() && !e.is_negative() {
            format!("{base}^{}", e.to_integer())
        } else {
            format!("{base}^({})", rational_text(e))
        }
    }
    fn dz(&self, i: usize) -> String {
        format!("d{}", self.z(i))
    }
    fn wedge(&self) -> &'static str {
        "^"
    }
    fn times(&self) -> &'static str {
        "*"
    }
    fn before_form(&self) -> &'static str {
        " "
    }
    fn line(&self, out: &mut String, s: &str) {
        let _ = writeln!(out, "  {s}");
    }
    fn heading(&self, out: &mut String, s: &str) {
        let _ = writeln!(out, "\n{s}");
    }
    fn prose(&self, out: &mut String, s: &str) {
        let _ = writeln!(out, "{s}");
    }
    fn less(&self) -> &'static str {
        "<"
    }
    fn greater(&self) -> &'static str {
        ">"
    }
    fn complex_space(&self, d: usize) -> String {
        format!("C^{d}")
    }
    fn setminus(&self) -> &'static str {
        "\\"
    }
    fn union(&self) -> &'static str {
        " U "
    }
    fn sigma(&self) -> &'static str {
        "Sigma"
    }
    fn gamma(&self) -> String {
        format!("Gamma({})", self.0.rho)
    }
    fn omega_def(&self) -> String {
        format!(
            "omega({z}) = conj(h({z})) ^ d{z} / g({z}, conj({z}))",
            z = self.0.z
        )
    }
    fn representation(&self) -> String {
        format!(
            "f(zeta) = (1/C) * integral over {} of f({z}) omega({z} - zeta)",
            self.gamma(),
            z = self.0.z
        )
    }
    fn constant(&self) -> String {
        "C = integral over Gamma of omega(z)".replace("(z)", &format!("({})", self.0.z))
    }
    fn vector(&self, v: &[i64]) -> String {
        let parts: Vec<String> = v.iter().map(i64::to_string).collect();
        format!("({})", parts.join(", "))
    }
    fn generator(&self, i: usize) -> String {
        format!("v{}", i + 1)
    }
    fn set(&self, body: &str) -> String {
        format!("{{{body}}}")
    }
    fn inline(&self, m: &str) -> String {
        m.to_string()
    }
}

fn latex_name(name: &str) -> String {
    const GREEK: &[&str] = &[
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu", "nu",
        "xi", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega", "Gamma", "Delta", "Lambda",
        "Sigma", "Omega",
    ];
    if GREEK.contains(&name) {
        format!("\\{name}")
    } else {
        name.to_string()
    }
}

fn rational_latex(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom())
    }
}

impl Symbols for Latex<'_> {
    fn z(&self, i: usize) -> String {
        format!("{}_{{{}}}", latex_name(&self.0.z), i + 1)
    }
    fn rho(&self, m: usize) -> String {
        format!("{}_{{{}}}", latex_name(&self.0.rho), m + 1)
    }
    fn lambda(&self, k: usize) -> String {
        format!("{}_{{{}}}", latex_name(&self.0.lambda), k + 1)
    }
    fn number(&self, q: &Rational) -> String {
        rational_latex(q)
    }
    fn power(&self, base: &str, e: &Rational) -> String {
        if e.is_one() {
            base.to_string()
        } else if e.is_integer() {
            format!("{base}^{{{}}}", e.to_integer())
        } else {
            format!("{base}^{{{}/{}}}", e.numer(), e.denom())
        }
    }
    fn abs_pow(&self, i: usize, e: &Rational) -> String {
        let base = format!("|{}|", self.z(i));
        if e.is_integer() {
            format!("{base}^{{{}}}", e.to_integer())
        } else {
            format!("{base}^{{{}/{}}}", e.numer(), e.denom())
        }
    }
    fn dz(&self, i: usize) -> String {
        format!("d{}", self.z(i))
    }
    fn wedge(&self) -> &'static str {
        " \\wedge "
    }
    fn times(&self) -> &'static str {
        " "
    }
    fn before_form(&self) -> &'static str {
        "\\,"
    }
    fn line(&self, out: &mut String, s: &str) {
        let _ = writeln!(out, "\\[ {s} \\]");
    }
    fn heading(&self, out: &mut String, s: &str) {
        let _ = writeln!(out, "\n\\paragraph{{{s}}}");
    }
    fn prose(&self, out: &mut String, s: &str) {
        let _ = writeln!(out, "{s}");
    }
    fn less(&self) -> &'static str {
        "<"
    }
    fn greater(&self) -> &'static str {
        ">"
    }
    fn complex_space(&self, d: usize) -> String {
        format!("\\mathbb{{C}}^{{{d}}}")
    }
    fn setminus(&self) -> &'static str {
        "\\setminus"
    }
    fn union(&self) -> &'static str {
        " \\cup "
    }
    fn sigma(&self) -> &'static str {
        "\\Sigma"
    }
    fn gamma(&self) -> String {
        format!("\\Gamma({})", latex_name(&self.0.rho))
    }
    fn omega_def(&self) -> String {
        let z = latex_name(&self.0.z);
        format!("\\omega({z}) = \\overline{{h({z})}} \\wedge d{z} / g({z}, \\overline{{{z}}})")
    }
    fn representation(&self) -> String {
        let z = latex_name(&self.0.z);
        format!(
            "f(\\zeta) = \\frac{{1}}{{C}} \\int\\limits_{{{}}} f({z})\\,\\omega({z} - \\zeta)",
            self.gamma()
        )
    }
    fn constant(&self) -> String {
        let z = latex_name(&self.0.z);
        format!("C = \\int\\limits_{{\\Gamma}} \\omega({z})")
    }
    fn vector(&self, v: &[i64]) -> String {
        let parts: Vec<String> = v.iter().map(i64::to_string).collect();
        format!("({})", parts.join(", "))
    }
    fn generator(&self, i: usize) -> String {
        format!("v_{{{}}}", i + 1)
    }
    fn set(&self, body: &str) -> String {
        format!("\\{{{body}\\}}")
    }
    fn inline(&self, m: &str) -> String {
        format!("${m}$")
    }
}

/// `c_1 t_1 + c_2 t_2 + …` with unit coefficients elided and zero terms
/// dropped.
fn combination<S: Symbols + ?Sized>(sym: &S, terms: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (c, body) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        if mag.is_one() {
            out.push_str(body);
        } else {
            out.push_str(&sym.number(&mag));
            out.push_str(sym.times());
            out.push_str(body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn int_q(x: &Integer) -> Rational {
    Rational::from_integer(x.clone())
}

struct Narrative<'a, S: Symbols + ?Sized> {
    report: &'a KernelReport,
    sym: &'a S,
}

impl<S: Symbols + ?Sized> Narrative<'_, S> {
    fn squares(&self, coeffs: &[Integer]) -> String {
        let two = Rational::from_integer(2.into());
        let terms: Vec<(Rational, String)> = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (int_q(c), self.sym.abs_pow(j, &two)))
            .collect();
        combination(self.sym, &terms)
    }

    fn rho_form(&self, form: &LinearFormRho) -> String {
        let terms: Vec<(Rational, String)> = form
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| (c.clone(), self.sym.rho(m)))
            .collect();
        combination(self.sym, &terms)
    }

    fn h_term_body(&self, t: &HTerm) -> String {
        let mono: Vec<String> = (0..t.monomial.len())
            .filter(|&j| t.monomial[j] == 1)
            .map(|j| self.sym.z(j))
            .collect();
        let forms: Vec<String> = t.indices.iter().map(|&i| self.sym.dz(i)).collect();
        format!(
            "{}{}{}",
            mono.join(self.sym.times()),
            self.sym.before_form(),
            forms.join(self.sym.wedge())
        )
    }

    fn h(&self, h: &HForm) -> String {
        let terms: Vec<(Rational, String)> = h
            .nonzero_terms()
            .map(|t| (int_q(&t.coefficient) * Rational::from_integer(t.sign.into()), self.h_term_body(t)))
            .collect();
        combination(self.sym, &terms)
    }

    fn g(&self, g: &GDenominator) -> String {
        let mut terms: Vec<(Vec<usize>, String)> = g
            .terms
            .iter()
            .map(|t| {
                let factors: Vec<String> = t
                    .factors
                    .iter()
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(l, e)| self.sym.abs_pow(*l, e))
                    .collect();
                let key = t.factors.iter().map(|(l, _)| *l).collect();
                let body = if factors.is_empty() { "1".to_string() } else { factors.join(self.sym.times()) };
                (key, body)
            })
            .collect();
        terms.sort();
        let parts: Vec<String> = terms.into_iter().map(|(_, b)| b).collect();
        parts.join(" + ")
    }

    fn group_entry(&self, i: usize, exps: &[Integer]) -> String {
        let mut factors: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, e)| self.sym.power(&self.sym.lambda(k), &int_q(e)))
            .collect();
        factors.push(self.sym.z(i));
        factors.join(self.sym.times())
    }

    fn render(&self, theorem: bool) -> String {
        let r = self.report;
        let s = self.sym;
        let mut out = String::new();

        s.heading(&mut out, "Fan");
        s.prose(&mut out, "Consider the toric variety whose fan is generated by the vectors");
        for (i, v) in r.fan.generators().iter().enumerate() {
            s.line(&mut out, &format!("{} = {}", s.generator(i), s.vector(v)));
        }
        s.prose(&mut out, "The cones of maximal dimension are generated by:");
        for cone in r.fan.max_cones() {
            let gens: Vec<String> = cone.iter().map(|&i| s.generator(i)).collect();
            s.line(&mut out, &format!("[{}]", gens.join(", ")));
        }

        s.heading(&mut out, "Linear relations");
        s.prose(&mut out, "All independent linear relations among the fan vectors are given by the system:");
        for row in r.relations.rows() {
            let terms: Vec<(Rational, String)> =
                row.iter().enumerate().map(|(j, c)| (int_q(c), s.generator(j))).collect();
            s.line(&mut out, &format!("{} = 0", combination(s, &terms)));
        }

        s.heading(&mut out, "Quotient");
        s.prose(&mut out, "The toric variety X is the quotient space:");
        s.line(
            &mut out,
            &format!("X = ({} {} Z({})) / G", s.complex_space(r.d()), s.setminus(), s.sigma()),
        );
        s.prose(
            &mut out,
            "where the exceptional set Z is the union of the coordinate subspaces, one per primitive collection:",
        );
        let subspaces: Vec<String> = r
            .exceptional
            .subspaces
            .iter()
            .map(|p| {
                let zs: Vec<String> = p.iter().map(|&i| s.z(i)).collect();
                s.set(&format!("{} = 0", zs.join(" = ")))
            })
            .collect();
        let z_set = if subspaces.is_empty() { s.set("") } else { subspaces.join(s.union()) };
        s.line(&mut out, &format!("Z({}) = {}", s.sigma(), z_set));
        s.prose(
            &mut out,
            &format!(
                "The group G is a {}-parameter surface in {}:",
                r.rank(),
                s.inline(&s.complex_space(r.d()))
            ),
        );
        let entries: Vec<String> = r
            .group
            .exponents
            .iter()
            .enumerate()
            .map(|(i, e)| self.group_entry(i, e))
            .collect();
        s.line(&mut out, &format!("G = ({})", entries.join(", ")));

        s.heading(&mut out, "Kahler cone");
        s.prose(&mut out, "The Kahler cone of this toric variety is given by the system of inequalities:");
        for k in &r.kahler {
            s.line(&mut out, &format!("{} {} 0", self.rho_form(k), s.greater()));
        }

        s.heading(&mut out, "Kernel");
        s.prose(&mut out, "The kernel of the integral representation is the differential form");
        s.line(&mut out, &s.omega_def());
        s.prose(&mut out, "where the form h is");
        s.line(&mut out, &format!("h = {}", self.h(&r.h)));
        s.prose(&mut out, "dz is the form");
        let all: Vec<String> = (0..r.d()).map(|i| s.dz(i)).collect();
        s.line(&mut out, &format!("d{} = {}", self.report_z(), all.join(s.wedge())));
        s.prose(&mut out, "and the denominator g is the function");
        s.line(&mut out, &format!("g = {}", self.g(&r.g)));

        if theorem {
            s.heading(&mut out, "Main result");
            s.prose(&mut out, "Let f be holomorphic in the domain W given by the inequalities");
            for (m, w) in r.w_forms.iter().enumerate() {
                s.line(&mut out, &format!("{} {} {}", self.squares(&w.coeffs), s.less(), s.rho(m)));
            }
            s.prose(
                &mut out,
                "and continuous on its closure. Then on the intersection of W with the domain D given by",
            );
            for ineq in &r.domain {
                let two = Rational::from_integer(2.into());
                let lhs: Vec<(Rational, String)> = ineq
                    .collection
                    .iter()
                    .map(|&j| (Rational::one(), s.abs_pow(j, &two)))
                    .collect();
                s.line(
                    &mut out,
                    &format!("{} {} {}", combination(s, &lhs), s.less(), self.rho_form(&ineq.bound)),
                );
            }
            s.prose(&mut out, "the integral representation holds:");
            s.line(&mut out, &s.representation());
            s.prose(&mut out, &format!("where the cycle {} is given by the equations", s.inline(&s.gamma())));
            for (m, w) in r.w_forms.iter().enumerate() {
                s.line(&mut out, &format!("{} = {}", self.squares(&w.coeffs), s.rho(m)));
            }
            s.prose(&mut out, "and the constant is");
            s.line(&mut out, &s.constant());
        }

        if !r.warnings.is_empty() {
            s.heading(&mut out, "Warnings");
            for w in &r.warnings {
                s.prose(&mut out, w);
            }
        }
        out.trim_start_matches('\n').to_string()
    }

    fn report_z(&self) -> String {
        // bare coordinate name, without an index
        let z0 = self.sym.z(0);
        z0.trim_end_matches(|c: char| c.is_ascii_digit())
            .trim_end_matches("_{1}")
            .to_string()
    }
}

/// Integer written as a JSON number when it fits in `i64`, else a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactInt(pub Integer);

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(ExactInt(v.into())),
            Repr::Str(s) => s.parse().map(ExactInt).map_err(serde::de::Error::custom),
        }
    }
}

/// Rational written as `"p/q"` (or `"p"` for integers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRational(pub Rational);

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_text(&self.0))
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse::<Rational>().map(ExactRational).map_err(serde::de::Error::custom)
    }
}

fn ints(v: &[Integer]) -> Vec<ExactInt> {
    v.iter().cloned().map(ExactInt).collect()
}

fn rats(v: &[Rational]) -> Vec<ExactRational> {
    v.iter().cloned().map(ExactRational).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HTermDoc {
    pub indices: Vec<usize>,
    pub sign: i8,
    pub coefficient: ExactInt,
    pub monomial: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GFactorDoc {
    pub index: usize,
    pub exponent: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GTermDoc {
    pub cone: Vec<usize>,
    pub factors: Vec<GFactorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainDoc {
    pub collection: Vec<usize>,
    pub bound: Vec<ExactRational>,
}

/// JSON form of a [`KernelReport`]. All indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub mode: String,
    pub fan: FanFile,
    pub relations: Vec<Vec<ExactInt>>,
    pub w_forms: Vec<Vec<ExactInt>>,
    pub group_exponents: Vec<Vec<ExactInt>>,
    pub primitive_collections: Vec<Vec<usize>>,
    pub exceptional_set: Vec<Vec<usize>>,
    pub kahler: Vec<Vec<ExactRational>>,
    pub domain: Vec<DomainDoc>,
    pub h: Vec<HTermDoc>,
    pub g: Vec<GTermDoc>,
    pub g_warnings: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn to_document(r: &KernelReport) -> ReportDocument {
    ReportDocument {
        mode: r.mode.as_str().to_string(),
        fan: r.fan.to_file(),
        relations: r.relations.rows().iter().map(|row| ints(row)).collect(),
        w_forms: r.w_forms.iter().map(|w| ints(&w.coeffs)).collect(),
        group_exponents: r.group.exponents.iter().map(|e| ints(e)).collect(),
        primitive_collections: r.primitive.iter().map(|p| one_based(p)).collect(),
        exceptional_set: r.exceptional.subspaces.iter().map(|p| one_based(p)).collect(),
        kahler: r.kahler.iter().map(|k| rats(&k.coeffs)).collect(),
        domain: r
            .domain
            .iter()
            .map(|d| DomainDoc {
                collection: one_based(&d.collection),
                bound: rats(&d.bound.coeffs),
            })
            .collect(),
        h: r
            .h
            .terms
            .iter()
            .map(|t| HTermDoc {
                indices: one_based(&t.indices),
                sign: t.sign,
                coefficient: ExactInt(t.coefficient.clone()),
                monomial: t.monomial.clone(),
            })
            .collect(),
        g: r
            .g
            .terms
            .iter()
            .map(|t| GTermDoc {
                cone: one_based(&t.cone),
                factors: t
                    .factors
                    .iter()
                    .map(|(l, e)| GFactorDoc {
                        index: l + 1,
                        exponent: ExactRational(e.clone()),
                    })
                    .collect(),
            })
            .collect(),
        g_warnings: r.g.warnings.clone(),
        warnings: r.warnings.clone(),
    }
}

fn zero_based(v: &[usize], d: usize) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| {
            if i == 0 || i > d {
                Err(Error::Parse(format!("index {i} out of range 1..{d}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn unwrap_ints(v: Vec<ExactInt>) -> Vec<Integer> {
    v.into_iter().map(|x| x.0).collect()
}

fn unwrap_rats(v: Vec<ExactRational>) -> Vec<Rational> {
    v.into_iter().map(|x| x.0).collect()
}

pub fn from_document(doc: ReportDocument) -> Result<KernelReport> {
    let fan = Fan::try_from(doc.fan)?;
    let d = fan.d();
    let mode = NuMode::from_str(&doc.mode)?;
    let relations = RelationBasis::from_rows(doc.relations.into_iter().map(unwrap_ints).collect(), d)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let primitive = PrimitiveCollections::new(
        doc.primitive_collections
            .iter()
            .map(|p| zero_based(p, d))
            .collect::<Result<Vec<_>>>()?,
    );
    let exceptional = ExceptionalSet {
        subspaces: doc
            .exceptional_set
            .iter()
            .map(|p| zero_based(p, d))
            .collect::<Result<_>>()?,
    };
    let h = HForm {
        terms: doc
            .h
            .into_iter()
            .map(|t| {
                Ok(HTerm {
                    indices: zero_based(&t.indices, d)?,
                    sign: t.sign,
                    coefficient: t.coefficient.0,
                    monomial: t.monomial,
                })
            })
            .collect::<Result<_>>()?,
    };
    let g = GDenominator {
        terms: doc
            .g
            .into_iter()
            .map(|t| {
                Ok(GTerm {
                    cone: zero_based(&t.cone, d)?,
                    factors: t
                        .factors
                        .into_iter()
                        .map(|f| Ok((zero_based(&[f.index], d)?[0], f.exponent.0)))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?,
        warnings: doc.g_warnings,
    };
    let domain = doc
        .domain
        .into_iter()
        .map(|dd| {
            Ok(DomainInequality {
                collection: zero_based(&dd.collection, d)?,
                bound: LinearFormRho {
                    coeffs: unwrap_rats(dd.bound),
                },
            })
        })
        .collect::<Result<_>>()?;
    Ok(KernelReport {
        fan,
        mode,
        relations,
        w_forms: doc
            .w_forms
            .into_iter()
            .map(|w| WForm { coeffs: unwrap_ints(w) })
            .collect(),
        group: GroupAction {
            exponents: doc.group_exponents.into_iter().map(unwrap_ints).collect(),
        },
        exceptional,
        primitive,
        kahler: doc
            .kahler
            .into_iter()
            .map(|k| LinearFormRho { coeffs: unwrap_rats(k) })
            .collect(),
        domain,
        h,
        g,
        warnings: doc.warnings,
    })
}

/// Read a report back from its JSON rendering.
pub fn parse_structured(text: &str) -> Result<KernelReport> {
    let doc: ReportDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_document(doc)
}

//! Quotient data, Kähler cone and the integral-representation kernel of the
//! toric variety of a complete simplicial fan.
//!
//! The kernel is `ω = conj(h(z)) ∧ dz / g(z, z̄)` on `C^d`, where
//!
//! * `h(z) = Σ_I ± A_I z^{J} dz_I` runs over all `n`-subsets `I` of the
//!   generators, `J` is the complement of `I` and `A_I` is the minor of the
//!   relation matrix on the columns `J`;
//! * `g(z, z̄) = Σ_σ Π_{l∉σ} |z_l|^{2(ν_l^σ + 1)}` runs over maximal cones.
//!
//! All indices here are 0-based; renderers add one.

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{permut, prim_coll, set_of_all_subsets, IndexSet, PrimitiveCollections};
use crate::error::{Error, Result};
use crate::fan::{validate_fan, Fan};
use crate::linalg::{det_integer, lin_rel, solve_in_basis, RelationBasis};
use crate::{Integer, Rational};

/// How the exponents `ν_l^σ` are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NuMode {
    /// `-Σ_i det(v_{m_1}, …, v_l, …, v_{m_n})`, sensitive to cone orientation.
    Strict,
    /// The strict sum divided by `det(v_{m_1}, …, v_{m_n})`.
    #[default]
    Normalized,
}

impl NuMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NuMode::Strict => "strict",
            NuMode::Normalized => "normalized",
        }
    }
}

impl std::str::FromStr for NuMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(NuMode::Strict),
            "normalized" => Ok(NuMode::Normalized),
            other => Err(Error::Argument(format!("unknown mode {other:?}, expected strict|normalized"))),
        }
    }
}

/// Diagonal action of `(C*)^{d-n}`: `z_i ↦ Π_k λ_k^{exponents[i][k]} z_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub exponents: Vec<Vec<Integer>>,
}

/// `Z(Σ)`: union of the coordinate subspaces `{z_i = 0, i ∈ P}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExceptionalSet {
    pub subspaces: Vec<IndexSet>,
}

/// `Σ_m coeffs[m] ρ_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormRho {
    pub coeffs: Vec<Rational>,
}

impl LinearFormRho {
    pub fn eval(&self, rho: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .zip(rho)
            .map(|(c, r)| c.to_f64().unwrap_or(f64::NAN) * r)
            .sum()
    }
}

/// `Σ_j coeffs[j] |z_j|^2`, one per relation row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WForm {
    pub coeffs: Vec<Integer>,
}

/// Term `sign · coefficient · z^monomial dz_{indices}` of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTerm {
    /// Ascending; the wedge is taken in this order.
    pub indices: IndexSet,
    pub sign: i8,
    pub coefficient: Integer,
    /// 0/1 exponents, the indicator of the complement of `indices`.
    pub monomial: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HForm {
    pub terms: Vec<HTerm>,
}

impl HForm {
    /// Terms with a nonzero coefficient.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = &HTerm> {
        self.terms.iter().filter(|t| !t.coefficient.is_zero())
    }
}

/// `Π_{(l, e)} |z_l|^e` for one maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTerm {
    pub cone: Vec<usize>,
    /// `(l, e_l)` for every `l` outside the cone, ascending in `l`.
    pub factors: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GDenominator {
    pub terms: Vec<GTerm>,
    pub warnings: Vec<String>,
}

/// How one Kähler inequality was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerDerivation {
    pub collection: IndexSet,
    /// Position in the fan's cone list of the cone used, `None` when the
    /// collection sums to zero.
    pub cone: Option<usize>,
    /// Coefficients of `Σ_{j∈P} v_j` in the cone's generators.
    pub cone_coeffs: Vec<Rational>,
    /// `χ_P - Σ_k c_k e_{σ(k)}`, a relation among the generators.
    pub relation: Vec<Rational>,
    pub form: LinearFormRho,
}

/// `Σ_{j ∈ collection} |z_j|^2 < bound(ρ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainInequality {
    pub collection: IndexSet,
    pub bound: LinearFormRho,
}

/// Everything the construction produces for one fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub fan: Fan,
    pub mode: NuMode,
    pub relations: RelationBasis,
    pub w_forms: Vec<WForm>,
    pub group: GroupAction,
    pub exceptional: ExceptionalSet,
    pub primitive: PrimitiveCollections,
    pub kahler: Vec<LinearFormRho>,
    pub domain: Vec<DomainInequality>,
    pub h: HForm,
    pub g: GDenominator,
    pub warnings: Vec<String>,
}

impl KernelReport {
    pub fn n(&self) -> usize {
        self.fan.n()
    }

    pub fn d(&self) -> usize {
        self.fan.d()
    }

    /// Number of relations and of cycle parameters `ρ`.
    pub fn rank(&self) -> usize {
        self.relations.len()
    }
}

pub fn group_action(rb: &RelationBasis) -> GroupAction {
    GroupAction {
        exponents: (0..rb.columns()).map(|j| rb.column(j)).collect(),
    }
}

pub fn exceptional_set(pc: &PrimitiveCollections) -> ExceptionalSet {
    ExceptionalSet {
        subspaces: pc.collections().to_vec(),
    }
}

pub fn w_forms(rb: &RelationBasis) -> Vec<WForm> {
    rb.rows().iter().map(|r| WForm { coeffs: r.clone() }).collect()
}

/// `ν_l^σ` for the ordered cone `σ` and a generator `l` outside it.
pub fn nu_sigma(f: &Fan, cone: &[usize], l: usize, mode: NuMode) -> Result<Rational> {
    if cone.contains(&l) {
        return Err(Error::Argument(format!("generator {} belongs to the cone", l + 1)));
    }
    let cone_det = f.cone_det(cone);
    if cone_det.is_zero() {
        return Err(Error::Argument("degenerate cone: generators are linearly dependent".into()));
    }
    let mut sum = Integer::zero();
    for substituted in permut(cone, l) {
        sum += det_integer(&f.rows(&substituted))?;
    }
    let strict = Rational::from_integer(-sum);
    Ok(match mode {
        NuMode::Strict => strict,
        NuMode::Normalized => strict / Rational::from_integer(cone_det),
    })
}

fn sign_of(indices: &[usize]) -> i8 {
    // (-1)^{(Σ_{i∈I} i) - 1} with 1-based i
    let one_based: usize = indices.iter().map(|i| i + 1).sum();
    if (one_based + 1).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn numerator_h(f: &Fan, rb: &RelationBasis) -> Result<HForm> {
    let (n, d) = (f.n(), f.d());
    if d <= n {
        return Err(Error::Degenerate(n));
    }
    let all: Vec<usize> = (0..d).collect();
    let mut terms = Vec::new();
    for indices in set_of_all_subsets(&all, n)? {
        let complement: Vec<usize> = all.iter().copied().filter(|i| !indices.contains(i)).collect();
        let minor: Vec<Vec<Integer>> = complement.iter().map(|&j| rb.column(j)).collect();
        let coefficient = det_integer(&minor)?;
        let mut monomial = vec![0u8; d];
        for &j in &complement {
            monomial[j] = 1;
        }
        terms.push(HTerm {
            sign: sign_of(&indices),
            indices,
            coefficient,
            monomial,
        });
    }
    Ok(HForm { terms })
}

pub fn denominator_g(f: &Fan, mode: NuMode) -> Result<GDenominator> {
    let two = Rational::from_integer(2.into());
    let mut terms = Vec::with_capacity(f.max_cones().len());
    let mut warnings = Vec::new();
    for cone in f.max_cones() {
        let mut factors = Vec::new();
        for l in (0..f.d()).filter(|l| !cone.contains(l)) {
            let nu = nu_sigma(f, cone, l, mode)?;
            let e = (nu + Rational::one()) * two.clone();
            if e.is_negative() {
                warnings.push(format!("negative exponent {} on |z{}| in the term of cone {:?}", e, l + 1, one_based(cone)));
            } else if !e.is_integer() {
                warnings.push(format!("fractional exponent {} on |z{}| in the term of cone {:?}", e, l + 1, one_based(cone)));
            }
            factors.push((l, e));
        }
        terms.push(GTerm {
            cone: cone.clone(),
            factors,
        });
    }
    Ok(GDenominator { terms, warnings })
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// One linear form in `ρ` per primitive collection, with its derivation.
pub fn kahler_derivations(f: &Fan, rb: &RelationBasis, pc: &PrimitiveCollections) -> Result<Vec<KahlerDerivation>> {
    let (n, d) = (f.n(), f.d());
    let rows = rb.rational_rows();
    let mut out = Vec::with_capacity(pc.len());
    for p in pc.iter() {
        let mut sum = vec![0i64; n];
        for &j in p {
            for (s, x) in sum.iter_mut().zip(f.generator(j)) {
                *s += x;
            }
        }
        let mut relation: Vec<Rational> = (0..d).map(|j| if p.contains(&j) { q(1) } else { q(0) }).collect();
        let (cone, cone_coeffs) = if sum.iter().all(|&x| x == 0) {
            (None, Vec::new())
        } else {
            let target: Vec<Rational> = sum.iter().map(|&x| q(x)).collect();
            let mut found = None;
            for (ci, c) in f.max_cones().iter().enumerate() {
                let basis: Vec<Vec<Rational>> = c
                    .iter()
                    .map(|&i| f.generator(i).iter().map(|&x| q(x)).collect())
                    .collect();
                if let Some(coeffs) = solve_in_basis(&basis, &target)? {
                    if coeffs.iter().all(|x| !x.is_negative()) {
                        found = Some((ci, coeffs));
                        break;
                    }
                }
            }
            let Some((ci, coeffs)) = found else {
                return Err(Error::KahlerNoCone {
                    collection: one_based(p),
                });
            };
            for (&gen, c) in f.max_cones()[ci].iter().zip(&coeffs) {
                relation[gen] -= c;
            }
            (Some(ci), coeffs)
        };
        let coeffs = solve_in_basis(&rows, &relation)?.ok_or_else(|| {
            Error::Internal(format!(
                "relation for collection {:?} is not in the span of the relation basis",
                one_based(p)
            ))
        })?;
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Internal(format!("zero Kähler form for collection {:?}", one_based(p))));
        }
        out.push(KahlerDerivation {
            collection: p.clone(),
            cone,
            cone_coeffs,
            relation,
            form: LinearFormRho { coeffs },
        });
    }
    Ok(out)
}

pub fn kahler_cone(f: &Fan, rb: &RelationBasis, pc: &PrimitiveCollections) -> Result<Vec<LinearFormRho>> {
    Ok(kahler_derivations(f, rb, pc)?.into_iter().map(|k| k.form).collect())
}

/// Run the whole construction for a validated fan.
pub fn build_kernel(f: &Fan, mode: NuMode) -> Result<KernelReport> {
    let validation = validate_fan(f);
    if !validation.is_ok() {
        return Err(Error::Validation(validation.errors));
    }
    if f.d() == f.n() {
        return Err(Error::Degenerate(f.n()));
    }
    let relations = lin_rel(f.generators())?;
    let group = group_action(&relations);
    let primitive = prim_coll(f.max_cones())?;
    let exceptional = exceptional_set(&primitive);
    let kahler = kahler_cone(f, &relations, &primitive)?;
    let domain = primitive
        .iter()
        .zip(&kahler)
        .map(|(p, k)| DomainInequality {
            collection: p.clone(),
            bound: k.clone(),
        })
        .collect();
    let h = numerator_h(f, &relations)?;
    let g = denominator_g(f, mode)?;

    let mut warnings = validation.warnings;
    warnings.extend(g.warnings.iter().cloned());

    if relations
        .residuals(f.generators())
        .iter()
        .any(|r| r.iter().any(|x| !x.is_zero()))
    {
        return Err(Error::Internal("relation basis does not annihilate the generators".into()));
    }

    Ok(KernelReport {
        fan: f.clone(),
        mode,
        w_forms: w_forms(&relations),
        relations,
        group,
        exceptional,
        primitive,
        kahler,
        domain,
        h,
        g,
        warnings,
    })
}

fn main() {
    std::process::exit(torkernel::cli::run(std::env::args_os()));
}

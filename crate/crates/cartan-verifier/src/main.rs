fn main() {
    std::process::exit(cartan_verifier::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(phigcd::cli::run());
}

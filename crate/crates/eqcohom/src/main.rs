fn main() {
    std::process::exit(eqcohom::cli::run());
}

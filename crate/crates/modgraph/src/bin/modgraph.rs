fn main() {
    let code = modgraph::cli::run(std::env::args().skip(1));
    std::process::exit(code);
}

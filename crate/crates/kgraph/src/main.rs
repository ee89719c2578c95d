fn main() {
    std::process::exit(kgraph::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(extkoszul_cli::commands::main_with(std::env::args()));
}

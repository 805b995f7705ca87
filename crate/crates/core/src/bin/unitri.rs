fn main() {
    std::process::exit(unitri::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(unicomplex_cli::main_with_args(std::env::args_os()));
}

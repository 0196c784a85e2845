fn main() {
    std::process::exit(etafloor_cli::main_with_args(std::env::args_os()));
}

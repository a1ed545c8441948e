fn main() {
    std::process::exit(onion_cli::main_with_args(std::env::args_os()));
}

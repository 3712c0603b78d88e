fn main() {
    std::process::exit(propertime::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(cartankit::cli::main_with_args(std::env::args_os()));
}

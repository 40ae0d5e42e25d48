fn main() {
    std::process::exit(quiver_idem::cli::main_with_args(std::env::args_os()));
}

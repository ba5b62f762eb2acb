fn main() {
    std::process::exit(arcmodel::cli::main_with_args(std::env::args_os()));
}

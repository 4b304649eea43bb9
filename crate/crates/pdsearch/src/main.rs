fn main() {
    std::process::exit(pdsearch::cli::main_with_args(std::env::args_os()));
}

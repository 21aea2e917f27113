fn main() {
    std::process::exit(palcomplex::cli::main_with(std::env::args_os()));
}

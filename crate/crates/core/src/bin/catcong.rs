fn main() {
    std::process::exit(catcong::cli::main_with_args(std::env::args_os()));
}

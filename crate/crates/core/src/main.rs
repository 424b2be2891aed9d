fn main() {
    std::process::exit(equisos::cli::main_with_args(std::env::args_os()));
}

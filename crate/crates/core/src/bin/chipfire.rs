fn main() {
    std::process::exit(chipfire::cli::main_with_env());
}

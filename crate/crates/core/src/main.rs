fn main() {
    std::process::exit(sipmink::cli::main_with_env());
}

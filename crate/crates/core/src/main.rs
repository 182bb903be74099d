fn main() {
    std::process::exit(huip_core::cli::main_with_std());
}

fn main() {
    std::process::exit(reflectance::cli::main_entry());
}

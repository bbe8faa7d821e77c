fn main() {
    std::process::exit(hodge::cli::main());
}

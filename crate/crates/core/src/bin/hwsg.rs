fn main() {
    std::process::exit(hwsg::cli::main());
}

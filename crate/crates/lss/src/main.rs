fn main() {
    std::process::exit(lss::cli::main());
}

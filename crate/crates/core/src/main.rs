fn main() {
    std::process::exit(qi_reorder::cli::main());
}

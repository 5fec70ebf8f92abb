fn main() {
    std::process::exit(neg4lat::cli::run());
}

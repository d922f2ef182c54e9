fn main() {
    std::process::exit(lefschetz::cli::main_with_args(std::env::args()));
}

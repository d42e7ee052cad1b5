fn main() {
    std::process::exit(zigzag::cli::run(std::env::args_os()));
}

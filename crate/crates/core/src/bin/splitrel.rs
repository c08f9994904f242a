fn main() {
    std::process::exit(splitrel::cli::run(std::env::args_os()));
}

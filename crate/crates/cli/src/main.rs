fn main() {
    std::process::exit(ryde_cli::run(std::env::args_os()));
}

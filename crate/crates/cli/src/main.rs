fn main() {
    std::process::exit(dimlift_cli::run(std::env::args_os()));
}

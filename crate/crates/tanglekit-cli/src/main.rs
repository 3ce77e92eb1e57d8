fn main() {
    std::process::exit(tanglekit_cli::run(std::env::args_os()));
}

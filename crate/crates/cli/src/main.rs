fn main() {
    std::process::exit(wegner_cli::run(std::env::args_os()));
}

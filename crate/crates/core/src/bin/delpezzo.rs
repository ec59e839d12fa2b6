fn main() {
    std::process::exit(delpezzo::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(intz::cli::run(std::env::args_os()));
}

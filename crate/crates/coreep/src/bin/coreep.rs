fn main() {
    std::process::exit(coreep::cli::run(std::env::args_os()));
}

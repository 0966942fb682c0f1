fn main() {
    std::process::exit(gaugedim::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(corefkit::cli::run(std::env::args_os()));
}

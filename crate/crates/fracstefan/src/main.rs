fn main() {
    std::process::exit(fracstefan::cli::run(std::env::args_os()));
}

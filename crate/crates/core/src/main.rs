fn main() {
    std::process::exit(nsfusion::cli::run(std::env::args_os()));
}

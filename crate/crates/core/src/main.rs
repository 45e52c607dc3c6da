fn main() {
    std::process::exit(defzero::cli::run(std::env::args_os()));
}

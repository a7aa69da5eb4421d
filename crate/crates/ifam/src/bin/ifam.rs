fn main() {
    std::process::exit(ifam::cli::run(std::env::args_os()));
}

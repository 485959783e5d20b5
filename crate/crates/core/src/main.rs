fn main() {
    std::process::exit(pqgrass::cli::run(std::env::args_os()));
}

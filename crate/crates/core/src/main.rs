fn main() {
    std::process::exit(ito_frft::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(knotvar_cli::run(std::env::args_os()));
}

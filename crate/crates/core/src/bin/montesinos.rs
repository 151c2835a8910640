fn main() {
    std::process::exit(montesinos::cli::run(std::env::args_os()));
}

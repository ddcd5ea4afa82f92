fn main() {
    std::process::exit(arcalg::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(bannai_ito::cli::run(std::env::args_os()));
}

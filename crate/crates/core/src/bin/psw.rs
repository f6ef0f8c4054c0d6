fn main() {
    std::process::exit(psw::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(horn_amoeba::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(cjones::cli::run(std::env::args_os()));
}

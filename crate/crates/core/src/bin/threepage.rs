fn main() {
    std::process::exit(threepage::cli::run(std::env::args_os()));
}

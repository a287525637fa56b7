fn main() {
    std::process::exit(toriquot::cli::run(std::env::args_os()));
}

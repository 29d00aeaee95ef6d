fn main() {
    std::process::exit(wizdata_cli::run(std::env::args_os()));
}

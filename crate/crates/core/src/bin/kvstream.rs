fn main() {
    std::process::exit(kvstream::cli::run_command(std::env::args_os()));
}

fn main() {
    std::process::exit(depnet_cli::run(std::env::args_os()));
}

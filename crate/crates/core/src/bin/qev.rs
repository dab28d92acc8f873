fn main() {
    std::process::exit(qev::cli::cli_main(std::env::args_os()));
}

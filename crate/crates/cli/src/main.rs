fn main() {
    std::process::exit(qreduce_cli::app::run(std::env::args_os()));
}

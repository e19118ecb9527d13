fn main() {
    std::process::exit(zxent::cli::run(std::env::args_os()));
}

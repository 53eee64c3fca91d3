fn main() {
    std::process::exit(lissajous_cheb::cli::run(std::env::args_os()));
}

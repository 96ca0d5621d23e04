fn main() {
    std::process::exit(canonseq::run(std::env::args_os()));
}

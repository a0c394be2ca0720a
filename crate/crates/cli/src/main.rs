fn main() {
    std::process::exit(cherednik_lab::main_with(std::env::args_os()));
}

fn main() {
    eprintln!("latticetopo: command-line interface under construction");
    std::process::exit(1);
}

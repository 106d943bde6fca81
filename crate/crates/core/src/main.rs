fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = spinfoam::cli::run(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}

use skewpbw::frontend::run_command;

fn main() {
    let out = run_command(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}

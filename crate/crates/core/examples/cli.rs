//! Driving the command-line front end in process.
fn main() {
    let runs: [&[&str]; 3] = [
        &["affgroth", "groth", "--type", "A2~", "--word", "2,1,0"],
        &["affgroth", "localize", "--type", "A1~", "--word", "1,0", "--at", "1,0"],
        &["affgroth", "verify", "--type", "A1~", "--max-length", "2", "--checks", "window,psi"],
    ];
    for args in runs {
        let out = affgroth::cli::run(args.iter().copied());
        println!("$ {}\n{}[exit {}]", args[1..].join(" "), out.stdout, out.status);
    }
}

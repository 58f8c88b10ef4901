// Driving the command-line front end in-process.

pub fn run_example() -> Result<(), String> {
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/zetazeta.json");
    let runs: [&[&str]; 3] = [
        &["multitwist", "invariants", "--config", config, "--out", "csv"],
        &["multitwist", "spectrum", "--config", config, "--alpha-max", "4", "--out", "csv"],
        &["multitwist", "eval", "--config", config, "--alpha", "0.7", "--s", "0.8;0.8", "--out", "csv"],
    ];
    for args in runs {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = multitwist::cli::run(args.iter().copied(), &mut out, &mut err);
        print!("{}", String::from_utf8_lossy(&out));
        if code != 0 {
            return Err(format!("{} exited with {code}: {}", args[1], String::from_utf8_lossy(&err)));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), String> {
    run_example()
}

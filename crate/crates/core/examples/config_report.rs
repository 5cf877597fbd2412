//! Drives the command-line front end in-process: parses a JSON configuration,
//! prints the generation-time report and reproduces one preset table.

use gentime::cli::{parse_config, run_command};

const CONFIG: &str = r#"{
  "space": {"blowup_p2": {"centers": [
    {"coords": ["1", "0", "0"]},
    {"coords": ["0", "1", "0"]}
  ]}},
  "collection": [
    {"line_bundle": [0, 0, 0]},
    {"line_bundle": [0, 1, 0]},
    {"line_bundle": [0, 0, 1]},
    {"line_bundle": [1, 0, 0]},
    {"line_bundle": [2, 0, 0]}
  ],
  "options": {"p_cap": 10, "anticanonical_smooth_member": true}
}"#;

fn main() {
    let doc = parse_config(CONFIG).expect("valid configuration");
    println!("normalized configuration:\n{}", doc.render());

    let path = std::env::temp_dir().join("gentime_t1_b2.json");
    std::fs::write(&path, CONFIG).unwrap();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_command(["gentime", "gentime", "--config", path.to_str().unwrap()], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");

    out.clear();
    let code = run_command(["gentime", "reproduce", "weighted"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");
}

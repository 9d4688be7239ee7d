use std::fs;
use std::net::TcpListener;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn pairid(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairid")).current_dir(dir).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn free_port() -> u16 {
    TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port()
}

/// Runs prover and verifier against each other; returns their exit codes.
fn session(dir: &Path, prove: &[&str], verify: &[&str]) -> (i32, i32) {
    let addr = format!("127.0.0.1:{}", free_port());
    let mut p_args = vec!["prove", "--listen", &addr];
    p_args.extend_from_slice(prove);
    let mut prover = Command::new(env!("CARGO_BIN_EXE_pairid"))
        .current_dir(dir)
        .args(&p_args)
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let mut v_args = vec!["verify", "--connect", &addr];
    v_args.extend_from_slice(verify);
    let v = pairid(dir, &v_args);
    let p = prover.wait().unwrap();
    (p.code().unwrap(), code(&v))
}

fn keygen(dir: &Path, scheme: &str, name: &str, extra: &[&str]) {
    let key = format!("{name}.key");
    let public = format!("{name}.pub");
    let mut args = vec!["keygen", "--scheme", scheme, "--out", &key, "--public-out", &public];
    args.extend_from_slice(extra);
    let out = pairid(dir, &args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn honest_sessions_accept_on_both_backends() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    for scheme in ["blsid", "cdhid", "sdhid", "owfid", "scl", "hls"] {
        keygen(d, scheme, scheme, &["--seed", "1"]);
        keygen(d, scheme, &format!("{scheme}-c"), &["--seed", "1", "--backend", "curve", "--p", "131"]);
    }
    for scheme in ["blsid", "cdhid", "sdhid", "owfid", "scl", "hls"] {
        for name in [scheme.to_string(), format!("{scheme}-c")] {
            let key = format!("{name}.key");
            let public = format!("{name}.pub");
            // seed 2 avoids the rare SCL abort for these keys
            let (p, v) = session(
                d,
                &["--key", &key, "--seed", "2", "--transcript", "p.txt"],
                &["--pk", &public, "--seed", "2", "--transcript", "v.txt"],
            );
            assert_eq!((p, v), (0, 0), "{name}");
            assert_eq!(fs::read_to_string(d.join("p.txt")).unwrap(), fs::read_to_string(d.join("v.txt")).unwrap());
        }
    }
}

#[test]
fn wrong_key_exits_one() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "cdhid", "a", &["--seed", "1"]);
    keygen(d, "cdhid", "b", &["--seed", "2"]);
    keygen(d, "owfid", "c", &["--seed", "3"]);
    assert_eq!(session(d, &["--key", "b.key"], &["--pk", "a.pub"]), (1, 1));
    // different scheme: the hello exchange fails
    assert_eq!(session(d, &["--key", "c.key"], &["--pk", "a.pub"]), (1, 1));
    // scheme flag disagreeing with the peer
    assert_eq!(session(d, &["--key", "c.key", "--scheme", "cdhid"], &["--pk", "a.pub"]), (1, 1));
    assert_eq!(session(d, &["--key", "a.key"], &["--pk", "a.pub", "--scheme", "owfid"]), (1, 1));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "owfid", "k", &["--seed", "1"]);
    assert_eq!(code(&pairid(d, &["prove", "--key", "k.key", "--scheme", "nope", "--stdio"])), 2);
    assert_eq!(code(&pairid(d, &["prove", "--key", "missing.key", "--stdio"])), 2);
    assert_eq!(code(&pairid(d, &["keygen", "--scheme", "nope", "--out", "x"])), 2);
    assert_eq!(code(&pairid(d, &["keygen", "--scheme", "hls", "--backend", "curve", "--p", "11", "--out", "x"])), 2);
    assert_eq!(code(&pairid(d, &["bogus"])), 2);
    fs::write(d.join("junk.key"), "not a record\n").unwrap();
    assert_eq!(code(&pairid(d, &["verify", "--pk", "junk.key", "--stdio"])), 2);
}

#[test]
fn signatures_round_trip_and_tampering_fails() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    keygen(d, "bls", "bls", &["--seed", "5"]);
    keygen(d, "bb", "bb", &["--seed", "5", "--backend", "curve", "--p", "7"]);
    let ok = |args: &[&str]| code(&pairid(d, args));
    assert_eq!(ok(&["sign", "--scheme", "bls", "--key", "bls.key", "--message", "101101", "--out", "s1"]), 0);
    assert_eq!(ok(&["sigverify", "--pk", "bls.pub", "--sig", "s1"]), 0);
    assert_eq!(ok(&["sign", "--scheme", "bb", "--key", "bb.key", "--message", "3", "--seed", "1", "--out", "s2"]), 0);
    assert_eq!(ok(&["sigverify", "--pk", "bb.pub", "--sig", "s2", "--scheme", "bb"]), 0);

    let text = fs::read_to_string(d.join("s1")).unwrap().replace("message 2d", "message 2c");
    fs::write(d.join("s1"), text).unwrap();
    assert_eq!(ok(&["sigverify", "--pk", "bls.pub", "--sig", "s1"]), 1);
    let text = fs::read_to_string(d.join("s2")).unwrap();
    let m = text.lines().find(|l| l.starts_with("message ")).unwrap();
    fs::write(d.join("s2"), text.replace(m, "message 0004")).unwrap();
    assert_eq!(ok(&["sigverify", "--pk", "bb.pub", "--sig", "s2"]), 1);

    // a bb signature checked against a BLS key is a usage error
    assert_eq!(ok(&["sign", "--scheme", "bb", "--key", "bls.key", "--message", "3", "--out", "s3"]), 2);
}

#[test]
fn lab_reports_bounds() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = pairid(d, &["lab", "--game", "extractor", "--p", "101", "--eps", "0.5"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("bound 3/16 >= 0.187500") && text.contains("result pass"), "{text}");
    for game in ["omcdh", "forgery", "invert-cdh", "invert-ddh", "heavyrow", "mitm"] {
        let out = pairid(d, &["lab", "--game", game, "--trials", "500"]);
        assert!(out.status.success(), "{game}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let out = pairid(d, &["lab", "--game", "mitm", "--flip-bit", "5", "--trials", "50"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("wins 0"));
}

#[test]
fn bench_single_scheme() {
    let dir = TempDir::new().unwrap();
    let out = pairid(dir.path(), &["bench", "--scheme", "owfid", "--backend", "curve", "--p", "7", "--sessions", "10"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("expected OWFID") && text.contains("match"));
}

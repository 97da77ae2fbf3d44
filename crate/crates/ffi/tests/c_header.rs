//! Compiles a C program against the generated header and static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/horn_amoeba.h")).unwrap();
    for name in [
        "ha_last_error",
        "ha_string_free",
        "ha_poly_parse",
        "ha_coefficient_from_json",
        "ha_system_symbol_resultant",
        "ha_census_run",
        "ha_membership",
        "HA_STATUS_OK = 0",
        "typedef struct HaPoly HaPoly;",
    ] {
        assert!(h.contains(name), "{}", name);
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = profile_dir().join("libhorn_amoeba_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe)
        .arg(manifest.join("../core/data/pentagon.json"))
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{}{}", stdout, String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("components 3"), "{}", stdout);
    assert!(stdout.contains("fan complete 1"), "{}", stdout);
}

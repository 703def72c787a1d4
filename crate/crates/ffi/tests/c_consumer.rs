//! Compiles tests/c/smoke.c against the generated header and the static
//! library, then runs it. Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

fn has(cmd: &str) -> bool {
    Command::new(cmd)
        .arg("--version")
        .output()
        .is_ok_and(|o| o.status.success())
}

fn staticlib() -> Option<PathBuf> {
    // tests/<bin> lives in target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libgradedpi_ffi.a");
    lib.is_file().then_some(lib)
}

#[test]
fn header_compiles_and_links() {
    if !has("cc") {
        eprintln!("skipped: no cc");
        return;
    }
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = root.join("include");
    assert!(header_dir.join("gradedpi.h").is_file());
    let src = root.join("tests/c/smoke.c");
    let Some(lib) = staticlib() else {
        // header-only check
        let st = Command::new("cc")
            .arg("-fsyntax-only")
            .arg("-I")
            .arg(&header_dir)
            .arg(&src)
            .status()
            .unwrap();
        assert!(st.success());
        return;
    };
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("gradedpi_smoke");
    let st = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&header_dir)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

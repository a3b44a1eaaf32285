//! Builds and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on PATH.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "bifib.h"

int main(void) {
    BifibPoly *p = NULL;
    char *s = NULL;
    if (bifib_fib(5, &p) != BIFIB_STATUS_OK) return 1;
    if (bifib_poly_to_text(p, &s) != BIFIB_STATUS_OK) return 2;
    int ok = strcmp(s, "x^4 + 3x^2 y + y^2") == 0;
    bifib_string_free(s);
    bifib_poly_free(p);
    if (!ok) return 3;
    if (bifib_poly_from_json("not json", &p) != BIFIB_STATUS_PARSE) return 4;
    if (strlen(bifib_last_error()) == 0) return 5;
    puts("ok");
    return 0;
}
"#;

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn c_program_links_and_runs() {
    if !have_cc() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libbifib_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());

    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = work.join("smoke.c");
    let exe = work.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

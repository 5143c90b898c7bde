use std::path::Path;
use std::process::Command;

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/quartic_lines.h"))
        .expect("header generated by the build script");
    for name in [
        "typedef struct QlSurface QlSurface",
        "typedef struct QlCensus QlCensus",
        "QL_STATUS_OK = 0",
        "QL_STATUS_FINDING",
        "ql_surface_new",
        "ql_census_count",
        "ql_census_json",
        "ql_fibration_json",
        "ql_graph_json",
        "ql_string_free",
        "ql_last_error",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

// only when a C compiler is around
#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = Path::new(env!("CARGO_TARGET_TMPDIR")).join("use_header.c");
    std::fs::write(
        &src,
        "#include \"quartic_lines.h\"\nint main(void) { QlSurface *s = 0; \
         return ql_surface_new(\"x1^4\", 0, &s) == QL_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&dir)
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

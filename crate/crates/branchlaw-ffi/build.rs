fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("manifest dir");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let header = std::path::Path::new(&crate_dir)
        .join("include")
        .join("branchlaw.h");
    // write_to_file leaves the file untouched when the content is unchanged,
    // so the committed header stays in sync without spurious rebuilds
    cbindgen::generate(&crate_dir)
        .expect("header generation")
        .write_to_file(header);
}

fn main() {
    let crate_root = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=build.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    cbindgen::generate(&crate_root)
        .expect("unable to generate C bindings")
        .write_to_file(format!("{crate_root}/include/delpezzo.h"));
}

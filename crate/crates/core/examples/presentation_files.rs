//! The text format: parsing with line diagnostics, canonical rendering, and
//! sewing two presentations along a handlebody.

use framed_tqft::presentation::{parse, render};

const SOLID_TORI: &str = "\
# two solid tori joined by a 0-framed circle
handlebody A genus 1
handlebody B genus 1
surgery S framing 0
lk A.1 S 1
lk B.1 S -1
";

fn main() {
    let p = parse(SOLID_TORI).unwrap();
    println!("canonical form:\n{}", render(&p));
    let mended = p.mend().unwrap();
    println!("mended along A and B:\n{}", render(&mended));
    let sewn = p.sew(&p).unwrap();
    println!("sewn with itself:\n{}", render(&sewn));

    for bad in [
        "surgery K framing x\n",
        "surgery K framing 0\nlk K Q 1\n",
        "surgery K framing 0\nsurgery K framing 1\n",
    ] {
        println!("{:?} -> {}", bad, parse(bad).unwrap_err());
    }
}

//! Read a CoNLL document, convert it to canonical JSON lines and back.
//!
//! Run with `cargo run --example conll_roundtrip`.

use corefkit::formats::{
    parse_canonical_str, parse_conll_str, write_canonical_string, write_conll_string,
};

const INPUT: &str = "\
#begin document (bc/cctv/00/cctv_0001); part 000
bc/cctv/00/cctv_0001\t0\t0\tThe\tDT\t(0
bc/cctv/00/cctv_0001\t0\t1\tcompany\tNN\t0)
bc/cctv/00/cctv_0001\t0\t2\tsaid\tVBD\t-
bc/cctv/00/cctv_0001\t0\t3\tit\tPRP\t(0)
bc/cctv/00/cctv_0001\t0\t4\twould\tMD\t-
bc/cctv/00/cctv_0001\t0\t5\tsell\tVB\t-
bc/cctv/00/cctv_0001\t0\t6\tits\tPRP$\t(0)|(1
bc/cctv/00/cctv_0001\t0\t7\tunit\tNN\t1)
bc/cctv/00/cctv_0001\t0\t8\t.\t.\t-

bc/cctv/00/cctv_0001\t0\t0\tThe\tDT\t(1
bc/cctv/00/cctv_0001\t0\t1\tunit\tNN\t1)
bc/cctv/00/cctv_0001\t0\t2\tlost\tVBD\t-
bc/cctv/00/cctv_0001\t0\t3\tmoney\tNN\t(2)
bc/cctv/00/cctv_0001\t0\t4\t.\t.\t-

#end document
";

fn main() -> corefkit::Result<()> {
    let docs = parse_conll_str(INPUT, "eng_Latn")?;
    for doc in &docs {
        println!(
            "{}: {} sentences, {} entities",
            doc.doc_key,
            doc.sentences.len(),
            doc.entities.len()
        );
    }

    let canonical = write_canonical_string(&docs);
    println!("\ncanonical: {} bytes", canonical.len());
    let back = parse_canonical_str(&canonical)?;
    assert_eq!(back, docs);

    let (conll, dropped) = write_conll_string(&back)?;
    assert!(dropped.is_empty());
    let again = parse_conll_str(&conll, "eng_Latn")?;
    assert_eq!(again, docs);
    let (twice, _) = write_conll_string(&again)?;
    assert_eq!(twice, conll);
    println!("round trip stable\n");
    print!("{conll}");
    Ok(())
}

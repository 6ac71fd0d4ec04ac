//! Classic column insertion and the recording-tableau correspondence.
//!
//! Run with: cargo run --example classic_insertion

use qrs::insertion::{column_insert, rs_correspondence};
use qrs::tableaux::Tableau;

fn print_rows(label: &str, rows: &[Vec<usize>]) {
    println!("{label}:");
    for row in rows {
        println!(
            "  {}",
            row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Insert a 2 into a three-letter tableau and watch the bumping cascade.
    let p = Tableau::from_rows(&[vec![1, 1, 2, 3], vec![2, 3, 3], vec![3]], 3)?;
    print_rows("start", &p.to_rows());
    let (after, path) = column_insert(&p, 2)?;
    print_rows("after inserting 2", &after.to_rows());
    println!("insertion path rows (levels {}..): {:?}\n", path.start, path.rows);

    // The full correspondence: a word maps bijectively to a tableau pair of
    // equal shape, the second recording the order in which cells appeared.
    let word = [1, 1, 4, 3, 2, 3, 2];
    let (p, q) = rs_correspondence(&word, 4)?;
    println!("word {word:?} maps to:");
    print_rows("P", &p.to_rows());
    print_rows("Q", &q.to_rows());
    println!("common shape: {}", p.shape());
    Ok(())
}

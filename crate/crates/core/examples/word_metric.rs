//! Normal forms, word length and sphere enumeration in `F_2` and `Z/2 * Z/3`.

use hypnorm::GroupModel;

fn main() -> hypnorm::Result<()> {
    let f2 = GroupModel::free(2)?;
    let x = f2.parse_element("a1^2.a2^-1")?;
    let y = f2.parse_element("a2^1.a1^1")?;
    let xy = f2.multiply(&x, &y)?;
    println!("in {f2}: ({x}) * ({y}) = {xy}, length {}", f2.word_length(&xy)?);
    println!("inverse of {x} is {}", f2.inverse(&x));

    let s2 = f2.enumerate_sphere(2)?;
    let listed: Vec<String> = s2.iter().map(ToString::to_string).collect();
    println!("S_2 of {f2} ({} elements): {}", s2.len(), listed.join(" "));

    let modular: GroupModel = "zfp:2,3".parse()?;
    let sizes: Vec<u128> = (0..=8).map(|k| modular.sphere_size(k)).collect();
    println!("#S_k of {modular}, k = 0..8: {sizes:?}");

    // split a length-3 word into lengths 1 and 2
    let w = f2.parse_element("a1^1.a2^1.a1^1")?;
    let (a, b) = f2.geodesic_split(&w, 1, 2)?;
    println!("{w} = ({a}) * ({b})");
    Ok(())
}

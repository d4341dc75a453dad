"""
Counting operators and operands
===============================

Tokenize a tiny C++ program, tally its vocabulary and derive the classic
size measures from the tally.
"""

from libinvest import CPP_THESIS, classify, detect_io_operands, halstead, tokenize

source = """#include <iostream.h>
void main () {
int X;
cin >> X;
cout<< X+5;
}
"""

tokens = tokenize(source, CPP_THESIS)
for tok in tokens:
    print(f"{tok.line}:{tok.column:<3} {tok.kind.value:<8} {tok.lexeme}")

# the census keeps per-lexeme frequencies for both classes
census = classify(tokens)
print("operators:", dict(census.operators))
print("operands: ", dict(census.operands))
print("n1 n2 N1 N2 =", census.n1, census.n2, census.N1, census.N2)

# X is read by cin and written by cout, so one io parameter
n_star = detect_io_operands(tokens, CPP_THESIS)
report = halstead(census.with_n_star(n_star), log_base=10)
print(f"vocabulary      {report.voc}")
print(f"estimated len   {report.length:.2f}")
print(f"volume          {report.volume:.2f}")
print(f"potential vol.  {report.potential_volume:.2f}")
print(f"level           {report.level:.4f}")
print(f"difficulty      {report.difficulty:.2f}")
print(f"effort          {report.effort:.1f}")

# base 2 gives bits instead of decimal digits; ratios do not change
bits = halstead(census.with_n_star(n_star), log_base=2)
print(f"volume in bits  {bits.volume:.2f}, level unchanged: {bits.level:.4f}")

"""
How much does a stack library save?
===================================

A small program uses four of the six methods of a stack class.  We find
those methods, measure them, and compare the library's share of the work
with the program's own.
"""

from libinvest import (
    CPP_THESIS,
    classify,
    detect_usage,
    extract_components,
    investment,
    model_params,
    tokenize,
    used,
)

library = """
Stack::Stack() { topOfStack = -1; }
bool Stack::isEmpty() { return topOfStack == -1; }
bool Stack::isFull() { return topOfStack == capacity - 1; }
void Stack::makeEmpty() { topOfStack = -1; }
int Stack::pop() { return theArray[topOfStack--]; }
void Stack::push(int & x) { theArray[++topOfStack] = x; }
"""

program = """
#include <iostream>
#include "Stack.h"
int main()
{
    Stack<int> s;
    for (int i = 0; i < 10; i++)
        s.push(i);
    while (!s.isEmpty())
        cout << s.pop() << endl;
    return 0;
}
"""

profile = CPP_THESIS
components = extract_components([("Stack.cpp", library)], profile)
print("library offers:", [c.qualified_name for c in components])

program_tokens = tokenize(program, profile)
components = detect_usage(program_tokens, components, profile)
for c in components:
    print(f"  {c.qualified_name:<16} referenced {c.f_ci}x  volume {c.v_ci:6.2f}")
print("used:", [c.name for c in used(components)])

program_census = classify(program_tokens)

# pooled: one merged census for the used methods
# summed: each method's volume weighted by its reference count
for mode in ("pooled", "summed"):
    triple = model_params(program_census, components, mode, log_base=10)
    rep = investment(triple)
    print(f"{mode:>7}: Vorg={triple.v_org:7.2f}  Vr={triple.v_r:6.2f}  Vnr={triple.v_nr:7.2f}"
          f"  LIR={rep.lir:.3f}  LIL={rep.lil:.3f}  PS={rep.ps:.3f}")

# an unused library leaves the program's numbers alone
bare = model_params(program_census, [], "pooled")
print("no library: Vnr == Vorg ->", bare.v_nr == bare.v_org)

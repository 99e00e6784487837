"""
The worked examples
===================

Each catalog entry carries a symbol, an inner function ``Q`` with
``Phi = Q Phi^*``, and ground-truth annotations.  Running an entry classifies
``T_Phi`` and checks the computed verdicts and witnesses against them.
"""

from btoplab import RunConfig, get_entry, run_entry

config = RunConfig(k_max=3)

for entry_id in ("case2", "remark3.4", "scalar-czbar"):
    result = run_entry(get_entry(entry_id), config)
    rep = result["report"]
    print(f"\n{entry_id}: verdict {rep['verdict']}, case {rep['case']}")
    print("  hypothesis failures:", rep["dichotomy"]["hypothesis_failures"])
    for w in rep["witnesses"]:
        print(f"  witness {w['kind']:>24}: {w['vectors'][0]['re']}")
    print("  checks:", ", ".join(f"{c['name']}={c['passed']}" for c in result["checks"]))

# %%
# ``btoplab catalog`` runs every entry and writes a byte-stable JSON report.

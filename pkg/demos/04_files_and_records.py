"""
Files, records and the command line
===================================

Instances travel as DIMACS ``sp`` text with signed weights; answers travel
as JSON records that can be checked against the instance by anyone.
"""
import json

from negsssp import ResultRecord, emit_dimacs, gen_random, parse_dimacs, sssp, verify_record

# %%
g = gen_random(12, 30, seed=5, mode="planted-negative-cycle")
text = emit_dimacs(g, comment="planted cycle demo")
print(text.splitlines()[:4])
assert list(parse_dimacs(text).edges()) == list(g.edges())

# %%
record = ResultRecord.from_outcome(g, sssp(g, 0, seed=1), seed=1, ops=0, attempts=0)
print(record.to_json())
print(verify_record(g, record))

# %%
# Tamper with one weight in the record and the check refuses it.
body = json.loads(record.to_json())
body["cycle"][0][3] = -body["cycle"][0][3]
print(verify_record(g, ResultRecord.from_json(json.dumps(body))))

# %%
# The same steps from a shell:
#
#   negsssp gen --n 12 --m 30 --seed 5 --mode planted-negative-cycle > g.gr
#   negsssp solve --input g.gr --seed 1 > r.json ; echo $?      # 1 = cycle
#   negsssp verify --input g.gr --result r.json
#   negsssp decomp-stats --input g.gr --d 40 --trials 20 --dot tree.dot
#   negsssp bench --sizes 1024 2048 4096 --trials 3

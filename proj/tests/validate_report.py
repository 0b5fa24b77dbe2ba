import json
import sys

import jsonschema

schema = json.load(open(sys.argv[1]))
report = json.load(open(sys.argv[2]))
jsonschema.validate(report, schema)
width = len(report["columns"])
for row in report["rows"]:
    if len(row) != width:
        sys.exit("row width mismatch")
print("ok", sys.argv[2])

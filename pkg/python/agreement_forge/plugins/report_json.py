import json

from ..synth.report import ReportWriter


class JSONReportWriter(ReportWriter, plugin_name="json"):
    def dump(self, data, fid) -> None:
        json.dump(data, fid, indent=2, sort_keys=True, ensure_ascii=False)
        fid.write("\n")

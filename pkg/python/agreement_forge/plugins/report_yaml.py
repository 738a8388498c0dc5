import yaml

from ..synth.report import ReportWriter


class YAMLReportWriter(ReportWriter, plugin_name="yaml"):
    def dump(self, data, fid) -> None:
        yaml.safe_dump(data, fid, sort_keys=True, allow_unicode=True)

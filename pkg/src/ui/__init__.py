"""텍스트 출력 컴포넌트"""

from .tables import format_cell, format_number, format_point, format_report_table, format_section, format_tensor

__all__ = ["format_cell", "format_number", "format_point", "format_report_table", "format_section", "format_tensor"]

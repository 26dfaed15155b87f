"""Configuration package utilities"""

from typing import List, Optional, Union


def parse_name_list(value: Optional[Union[str, List[str]]]) -> Optional[List[str]]:
	"""Parse a comma-separated string of column names into a list. Lists pass through; empty gives None."""
	if value is None:
		return None
	if isinstance(value, list):
		return value or None
	items = [v.strip() for v in value.split(",") if v.strip()]
	return items or None

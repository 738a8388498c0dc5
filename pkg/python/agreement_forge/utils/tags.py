from enum import Flag, auto


class tags(Flag):
    not_found = 0
    wildcard = auto()  # Büchi 转移上的任意事件
    bottom = auto()  # 禁用迁移的目标 ⊥


_wildcard_ = tags.wildcard

_bottom_ = tags.bottom

def wbpinn_yaml_check_groups(comments, key):
    """
    Check the current key to be added to wbpinn.yaml and insert the group
    separator comment, if the key matches\n
    :param comments: comments dict, containing all comments from comments.json
    :param key: the current upper-case config key
    :return: group header to place before the key, or an empty string
    """
    groups = comments['WBPINN_CFG_GROUPS']
    comment_groups = {'EPSILON': "\n" + groups['TRAINING'],
                      'W_RES': "\n" + groups['LOSS'],
                      'N_INTERIOR': "\n" + groups['COLLOCATION'],
                      'REF_CELLS': "\n" + groups['REFERENCE'],
                      'LOG_EVERY': "\n" + groups['LOGGING']}
    if key in comment_groups:
        wbpinn_cfg = comment_groups[key] + "\n"
    else:
        wbpinn_cfg = ""
    return wbpinn_cfg


def wbpinn_yaml_format_value(key, value):
    """
    Format a single key: value line for wbpinn.yaml\n
    Booleans are lower-cased, numbers are written bare and everything else is quoted\n
    :param key: the current key
    :param value: the current value
    :return: the yaml line for this key
    """
    if isinstance(value, bool):
        return f"{key}: {str(value).lower()}\n"
    if isinstance(value, (int, float)):
        return f"{key}: {value!r}\n"
    # double quoted yaml only needs backslashes and double quotes escaped
    escaped = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f"{key}: \"{escaped}\"\n"

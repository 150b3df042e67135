""" Job configuration, execution, verification and reports """

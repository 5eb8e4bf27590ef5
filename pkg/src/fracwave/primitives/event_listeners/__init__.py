from .debug_event_listener import DebugEventListener, register_debug_listener
